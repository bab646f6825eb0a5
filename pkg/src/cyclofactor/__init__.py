"""Composed products and explicit cyclotomic factorization over finite fields."""
