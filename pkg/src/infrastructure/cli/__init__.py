# Infrastructure - Command Line Interface
