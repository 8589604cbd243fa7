#!/usr/bin/env python3
"""
Möbius Gyrovector Verifier - Main Entry Point

Checks Menelaus-type identities in the Poincaré s-ball with gamma-corrected
Möbius distances: scene files, seeded random campaigns, SVG figures and the
Euclidean-limit sweep.

Usage:
    python main.py [--config CONFIG_FILE] {verify,random,render,limit} ...

Configuration:
    Copy config.example.yaml to config.yaml to change tolerances, generator
    policy or logging. GYRO_TOLERANCE, GYRO_MAX_RADIUS and GYRO_LOG_LEVEL
    override the file; command-line flags override both.
"""

import sys

from src.cli import main


if __name__ == '__main__':
    sys.exit(main())
