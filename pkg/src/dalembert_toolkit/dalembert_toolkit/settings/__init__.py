"""Various settings modules for different kinds of runs."""
