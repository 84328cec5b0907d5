# Application DTOs
