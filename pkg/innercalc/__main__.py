# -*- coding: utf-8 -*-
"""Entry point for ``python -m innercalc``"""
import sys

from .cli import main

sys.exit(main())
