# Application Use Cases
