# Domain Entities
