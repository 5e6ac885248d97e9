# uniform_forest/__init__.py
