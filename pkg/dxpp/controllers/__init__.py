"""This directory is used for implementing the logic between the core package and the command line."""
