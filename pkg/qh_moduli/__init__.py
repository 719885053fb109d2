# qh_moduli/__init__.py
