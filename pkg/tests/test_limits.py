"""Cap configuration parsing."""

import pytest

from weightcell.errors import InputError
from weightcell.limits import Caps


def test_defaults():
    caps = Caps()
    assert caps.states == 1_000_000
    assert caps.cycles == 100_000


def test_from_env_string():
    caps = Caps.from_env("states=500, cycles=7")
    assert caps.states == 500 and caps.cycles == 7
    assert caps.rays == Caps().rays


def test_from_env_empty():
    assert Caps.from_env("") == Caps()


def test_bad_entries():
    with pytest.raises(InputError):
        Caps.from_env("bogus=1")
    with pytest.raises(InputError):
        Caps.from_env("states=many")
    with pytest.raises(InputError):
        Caps(states=0)


def test_env_var(monkeypatch):
    monkeypatch.setenv("WEIGHTCELL_CAPS", "words=123")
    assert Caps.from_env().words == 123
