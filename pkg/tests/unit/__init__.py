"""
Unit Tests Package
Contains unit tests for individual components
"""