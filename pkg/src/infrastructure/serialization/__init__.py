# Infrastructure - Text and CSV Serialization
