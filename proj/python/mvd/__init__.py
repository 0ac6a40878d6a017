"""Python face of the metric-voting distortion workbench.

Thin JSON wrappers over the C++ core; values that must stay exact travel as
"p/q" strings.
"""

import json

import _mvd

__all__ = [
    "validate_instance",
    "run_rule",
    "distortion",
    "adversary_k_entry",
    "adversary_general",
    "adversary_unbounded",
    "sample_instance",
    "gamma_of",
    "technical_bound_f",
    "technical_bound_g",
]

gamma_of = _mvd.gamma_of
technical_bound_f = _mvd.technical_bound_f
technical_bound_g = _mvd.technical_bound_g


def _dumps(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def validate_instance(instance):
    return json.loads(_mvd.validate_instance(_dumps(instance)))


def run_rule(rule, instance):
    return json.loads(_mvd.run_rule(rule, _dumps(instance)))


def distortion(rule, instance):
    return json.loads(_mvd.distortion(rule, _dumps(instance)))


def adversary_k_entry(rule, n, positions, epsilon="1/100000"):
    return json.loads(_mvd.adversary_k_entry(rule, n, list(positions), epsilon))


def adversary_general(rule, n, beta, epsilon="1/100000"):
    return json.loads(_mvd.adversary_general(rule, n, beta, epsilon))


def adversary_unbounded(rule, n, beta, delta="1/1000"):
    raw = _mvd.adversary_unbounded(rule, n, beta, delta)
    return None if raw is None else json.loads(raw)


def sample_instance(seed, n, m):
    return json.loads(_mvd.sample_instance(seed, n, m))
