"""Feasibility and realization of dihedral-angle prescriptions on triangulated surfaces."""
