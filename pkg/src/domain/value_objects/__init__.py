# Domain Value Objects
