"""Python interface to the charvar library.

Groups are given as family specs ("surface 2", "free 3", "raag 3 1-2") or as
presentation text ("gens a b; rel [a,b];"). Targets are group names such as
"U 3" or "PSU 2 x torus 1", or descriptor text.
"""

from ._charvar import (
    CharvarError,
    analyze,
    check_representation,
    cokernel,
    group_info,
    hom_group,
    lie_info,
    lift,
    obstruction_class,
    pi0_surface_rep_space,
    pi1,
    run_suite,
    simultaneous_eigenvalues,
    smith_normal_form,
    stable_facts,
    su2_kappa,
)
from ._charvar import run_cli as _run_cli


def run_cli(*args):
    """Runs the command line in-process; returns (exit_code, stdout, stderr)."""
    return _run_cli([str(a) for a in args])


__all__ = [
    "CharvarError",
    "analyze",
    "check_representation",
    "cokernel",
    "group_info",
    "hom_group",
    "lie_info",
    "lift",
    "obstruction_class",
    "pi0_surface_rep_space",
    "pi1",
    "run_cli",
    "run_suite",
    "simultaneous_eigenvalues",
    "smith_normal_form",
    "stable_facts",
    "su2_kappa",
]
