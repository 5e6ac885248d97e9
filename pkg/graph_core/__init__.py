# graph_core/__init__.py
