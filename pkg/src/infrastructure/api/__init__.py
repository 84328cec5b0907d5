# API Infrastructure Layer
