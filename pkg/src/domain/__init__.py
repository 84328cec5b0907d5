# Domain Layer - Core Business Logic
