"""OpenLattice core: terms, the free two-generator OML, finite models and subspace lattices."""
