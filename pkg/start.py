#!/usr/bin/env python3
"""
Kissing - Startup Script
Puts backend/ on the path and hands the command line to the CLI
"""

import os
import sys

# Add backend directory to Python path
backend_dir = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'backend')
sys.path.insert(0, backend_dir)

try:
    from app import run
except ImportError as e:
    print(f"Failed to import the kissing CLI: {e}", file=sys.stderr)
    print(f"Looked in: {backend_dir}", file=sys.stderr)
    sys.exit(2)

if __name__ == "__main__":
    sys.exit(run(sys.argv[1:]))
