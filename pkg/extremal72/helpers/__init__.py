""" Module providing utilities for the application """