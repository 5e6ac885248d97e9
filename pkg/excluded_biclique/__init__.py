# excluded_biclique/__init__.py
