# Database Infrastructure Layer
