"""Fixed CLI invocations whose JSON output is pinned by files in ``goldens/``."""
import os

GOLDEN_DIR = os.path.join(os.path.dirname(__file__), "goldens")

CASES = {
    "classify_kneser": ["classify", "1/(4*x^2)", "--json"],
    "classify_rw3_half": ["classify", "omega(3)/4 + gamma(3)^2/8", "--json"],
    "classify_harmonic": ["classify", "1", "--json"],
    "classify_rw2_one": ["classify", "omega(2)/4 + gamma(2)^2/4", "--json"],
    "classify_zero": ["classify", "0", "--json"],
    "sequences_2": ["sequences", "--n", "2", "--json"],
    "decompose_example": ["decompose", "2*Y^3 + Y'*Y''", "--json"],
    "decompose_y2_minus_y": ["decompose", "Y'' - Y", "--json"],
    "phi_omega4_twice": ["phi", "omega(4)", "--times", "2", "--json"],
    "phi_sigma0": ["phi", "omega(0) + gamma(0)^2", "--json"],
    "flw_divergent": ["flw", "--f", "1", "--g", "1/x", "--json"],
    "flw_convergent": ["flw", "--f", "x^2", "--g", "1", "--json"],
}


def golden_path(name):
    return os.path.join(GOLDEN_DIR, f"{name}.json")
