"""Exact symbolic toolkit for finite-order plane birational maps.

Subpackages cover cyclotomic scalars, sparse polynomial arithmetic,
curve invariants, birational maps of the plane and of the quadric,
the de Jonquieres group, del Pezzo surface automorphisms, the Picard
lattice, and the conjugacy-class classifier behind the CLI.
"""

__version__ = "0.1.0"
