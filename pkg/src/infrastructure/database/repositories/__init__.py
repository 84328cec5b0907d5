# Database Repository Implementations (Adapters)
