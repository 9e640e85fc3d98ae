"""Completions of subgroups of right-angled Coxeter groups, partite graph
constructions and the generalization of subgroups along partite graphs."""

__version__ = "0.1.0"
