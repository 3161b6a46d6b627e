"""
Regularity of binomial edge ideals: graph families, b(G), initial ideals
through admissible paths, and Hochster's formula.
"""

__version__ = "0.1.0"


def create_cli():
    """Command group factory used by run.py."""
    from bei.cli import cli

    return cli
