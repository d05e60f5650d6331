"""Sequent-calculus proof terms: checking, normalization, extraction."""
