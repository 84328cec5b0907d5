# Shared Layer - Common Utilities & Exceptions
