"""Caching model package"""
