"""qcryptlab: a desk-scale laboratory for quantum cryptographic primitives.

Dense simulation of quantum one-time pads, PRF-based encryption schemes,
distinguishing games, program obfuscation attacks, public-key quantum
money, and toy witness encryption, with a reproducible experiment harness
exposed through a CLI and a small HTTP service.
"""

__version__ = "0.1.0"
