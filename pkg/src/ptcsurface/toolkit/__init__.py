"""File emission and the command-line interface."""
