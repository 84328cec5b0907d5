# END Optimizer - Hexagonal Architecture Backend
