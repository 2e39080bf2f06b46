"""Two disjoint total dominating sets for planar near-triangulations."""
