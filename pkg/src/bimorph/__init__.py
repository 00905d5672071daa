"""Represented morphisms, bimorphisms and homogeneity evidence for countable graphs."""
