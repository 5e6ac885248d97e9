# long_holes/__init__.py
