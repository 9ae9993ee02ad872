"""
Integration Tests Package
Contains command-line tests for end-to-end runs
"""
