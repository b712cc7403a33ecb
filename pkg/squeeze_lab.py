#!/usr/bin/env python3
"""
Squeeze Lab command-line entry point.

    python squeeze_lab.py pinch --domain thullen:k=0.5 --point 1,0,0,0
    python squeeze_lab.py envelope --relation KB --s 1 --n 1
"""

import os
import sys

current_dir = os.path.dirname(os.path.abspath(__file__))
src_dir = os.path.join(current_dir, 'src')
if src_dir not in sys.path:
    sys.path.insert(0, src_dir)

from squeeze_cli import main

if __name__ == "__main__":
    sys.exit(main())
