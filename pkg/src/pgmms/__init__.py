"""Exact verification of MMS star properties on partial geometries."""
