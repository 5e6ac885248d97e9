# tree_grower/__init__.py
