# Application Layer - Use Cases & Business Rules
