"""Genus-0 minimal surfaces with an odd number of embedded planar ends."""
