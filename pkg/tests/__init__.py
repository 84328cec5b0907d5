# Tests for the END optimizer
