"""Small utilities that the algorithms lean on but do not define."""
