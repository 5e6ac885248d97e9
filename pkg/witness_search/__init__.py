# witness_search/__init__.py
