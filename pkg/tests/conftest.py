"""Shared fixtures.

The linked 18-point instances are the one expensive input many tests
share, so a session-scoped factory generates each seed once and caches
both the generator output and its certificate, with wall times recorded
for the budget assertions.
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent))

from waring6 import gen_example18
from waring6.certify import certify


class Ex18Cache:
    def __init__(self):
        self._gen = {}
        self._cert = {}

    def get(self, seed):
        """(GeneratorOutput, generation seconds) for the seed."""
        if seed not in self._gen:
            t0 = time.monotonic()
            out = gen_example18(seed)
            self._gen[seed] = (out, time.monotonic() - t0)
        return self._gen[seed]

    def certificate(self, seed):
        """(Certificate, certify seconds), run with default settings."""
        if seed not in self._cert:
            out, _ = self.get(seed)
            t0 = time.monotonic()
            cert = certify(out.points, out.phi)
            self._cert[seed] = (cert, time.monotonic() - t0)
        return self._cert[seed]


@pytest.fixture(scope="session")
def ex18():
    return Ex18Cache()


@pytest.fixture(scope="session")
def ex18_zero(ex18):
    """The seed-0 linked instance, shared by the module tests."""
    return ex18.get(0)[0]
