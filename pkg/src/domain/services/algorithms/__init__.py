# Distributed Optimization Steppers & Diagnostics
