"""Arithmetic-dynamics workbench: critical-orbit certificates, prime-density
experiments, finite-field dynamics, tree-automorphism statistics, and
elliptic-curve reduction orders."""

from arbordyn._core import (  # noqa: F401
    adding_machine_bits,
    closed_form_density,
    critical_orbit,
    disc_square_class,
    divisor_density,
    fix_proportion_exact,
    hausdorff_adding_machine,
    hyperbolic_density_profile,
    hyperbolic_membership,
    kummer_integral_mc,
    mandelbrot_In,
    martingale_sim,
    maximality_certificate,
    mod2_surjectivity_check,
    moebius,
    odd_order_density,
    per_density_profile,
    periodicity_density,
    point_order_mod_p,
    primes_up_to,
    root_proportion,
    settled_report,
    stoll_condition,
    tower_cn,
    tower_phi,
    tower_report,
)

__version__ = "0.1.0"
