#!/usr/bin/env python3
# run_cli.py
# Script to start the qh_moduli command-line front end.

import sys
import os

# --- Dynamic Path Setup ---
# Add the project root to the Python path so the 'qh_moduli' package imports
# when the script is run from a checkout.
script_dir = os.path.dirname(os.path.abspath(__file__))
project_root = script_dir
if project_root not in sys.path:
    sys.path.insert(0, project_root)

# --- Import and Run ---
try:
    from qh_moduli.cli import main
except ImportError as e:
    print(f"Error importing qh_moduli: {e}", file=sys.stderr)
    print("Please ensure you have installed the necessary libraries (sympy, pyparsing)", file=sys.stderr)
    print("and that the script is run from the project root directory.", file=sys.stderr)
    sys.exit(1)


if __name__ == "__main__":
    main()
