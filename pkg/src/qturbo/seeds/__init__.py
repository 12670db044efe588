"""Canonical seed transformations shipped with the package.

Three reference seeds are included, named by their (n, k, m) parameters:
two rate-1/3 codes with memory 3 and 4, and one rate-1/2 code with memory
4. Their distance spectra are pinned exactly by the acceptance tests.
"""

from importlib import resources

from ..conv_code import SeedTransformation, load_seed

SHIPPED = ("u313", "u314", "u214")


def shipped_seed_text(name: str) -> str:
    """Raw JSON text of a shipped seed file."""
    if name not in SHIPPED:
        raise KeyError(f"unknown shipped seed {name!r}; have {SHIPPED}")
    return (
        resources.files(__package__).joinpath(f"{name}.json").read_text()
    )


def shipped_seed(name: str) -> SeedTransformation:
    """Load a shipped seed by name ("u313", "u314", "u214")."""
    return load_seed(shipped_seed_text(name))
