"""
Tests Package
Unit and integration tests for the compressive-sensing toolkit
"""
