"""
OpenLattice entry point.

    python app.py beran "a ==0 b"
    python app.py check woml20 --eq EQ4
    python app.py accept --quick
"""
import sys

from core.cli import main

if __name__ == '__main__':
    sys.exit(main())
