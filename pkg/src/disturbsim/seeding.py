#
# SPDX-FileCopyrightText: Copyright (c) provide.io llc. All rights reserved.
# SPDX-License-Identifier: Apache-2.0
#

"""Named random substreams derived from one master seed.

Every stochastic component asks for its own generator by name. The stream
depends only on ``(master_seed, name)``, so adding or reordering components
never perturbs the draws of another.
"""

from __future__ import annotations

import hashlib

import numpy as np


def _name_key(name: str) -> tuple[int, ...]:
    digest = hashlib.blake2b(name.encode("utf-8"), digest_size=16).digest()
    return tuple(int.from_bytes(digest[i : i + 4], "little") for i in range(0, 16, 4))


def seed_sequence_for(master_seed: int, name: str) -> np.random.SeedSequence:
    """Return the SeedSequence for a named component."""
    return np.random.SeedSequence(entropy=master_seed, spawn_key=_name_key(name))


def rng_for(master_seed: int, name: str) -> np.random.Generator:
    """Return an independent generator for a named component."""
    return np.random.default_rng(seed_sequence_for(master_seed, name))


def derive_seed(master_seed: int, name: str) -> int:
    """A plain integer seed for a named child run (repeats, sweep cells)."""
    return int(seed_sequence_for(master_seed, name).generate_state(1)[0])


# 🔨💾🔚
