"""Full iso-recursive types: casts that witness equi-recursive equality."""
__version__ = "0.1.0"
