"""Shared helpers for the test suite: seeded machine generators."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from traitbench.enumeration import EXTRA_UNIVERSE, SIGMA_UNIVERSE
from traitbench.machine import BLANK, MachineDescription

MOVES = ("L", "R")


def random_canonical_machine(
    rng: random.Random,
    max_states: int = 6,
    max_sigma: int = 3,
    max_extras: int = 2,
) -> MachineDescription:
    """A uniformly sampled machine already in indexable normal form."""
    states = rng.randint(3, max_states)
    sigma_size = rng.randint(1, max_sigma)
    extras = rng.randint(0, max_extras)
    sigma = tuple(SIGMA_UNIVERSE[:sigma_size])
    gamma = sigma + (BLANK,) + tuple(EXTRA_UNIVERSE[:extras])
    rules = tuple(
        (q, sym, rng.randrange(states), rng.choice(gamma), rng.choice(MOVES))
        for q in range(states - 2)
        for sym in gamma
    )
    return MachineDescription(
        state_count=states,
        start_state=0,
        accept_state=states - 2,
        reject_state=states - 1,
        input_alphabet=sigma,
        tape_alphabet=gamma,
        blank=BLANK,
        transitions=rules,
    )


@st.composite
def canonical_machines(draw, max_states: int = 6, max_sigma: int = 3, max_extras: int = 2) -> MachineDescription:
    """Hypothesis strategy over canonical machines."""
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    return random_canonical_machine(random.Random(seed), max_states, max_sigma, max_extras)
