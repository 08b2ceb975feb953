"""Shared bounds for the machine-word kernel paths."""

# Largest magnitude an int64 kernel entry may reach.  With all entries bounded
# by this, every product q * x in the elimination kernels stays below 2**61
# and every sum below 2**62, so int64 arithmetic cannot wrap.  Anything that
# would exceed the bound is redone in arbitrary precision.
ENTRY_LIMIT = 1 << 30

# Largest modulus admitted by the int64 mod-p kernels (p * p must fit).
MOD_P_LIMIT = 1 << 31
