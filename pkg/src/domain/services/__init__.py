# Domain Services - Graph Design, Cost Evaluation & Algorithms
