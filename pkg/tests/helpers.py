"""Shared cached builders so the suite constructs each kit once."""

from __future__ import annotations

from functools import cache

from tsdlink import builtin_algebra, make_braiding_kit, make_tsd_pair

# (name, dim) pairs of the bundled algebras
BUNDLED = (
    ("abelian", 1),
    ("abelian", 2),
    ("heisenberg3", None),
    ("so3", None),
    ("sl2", None),
    ("nambu4", None),
)


@cache
def algebra(name, dim=None, arity=2):
    if name == "abelian":
        return builtin_algebra(name, dim=dim, arity=arity)
    return builtin_algebra(name)


@cache
def tsd_pair(name, dim=None, arity=2):
    return make_tsd_pair(algebra(name, dim, arity))


@cache
def kit(name, dim=None, arity=2):
    return make_braiding_kit(tsd_pair(name, dim, arity))
