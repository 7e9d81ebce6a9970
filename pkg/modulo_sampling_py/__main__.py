"""
python -m modulo_sampling_py
"""
import sys

from .harness.cli import main

sys.exit(main())
