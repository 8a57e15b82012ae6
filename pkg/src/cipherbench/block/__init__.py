"""Block cipher primitives: AES-128, Blowfish, and Twofish.

Each submodule is a self-contained, from-scratch implementation of one
cipher, exposing key expansion plus single-block encrypt/decrypt. All
functions are pure; expanded key material is immutable once returned.
"""

from cipherbench.block.aes import (
    aes128_decrypt_block,
    aes128_encrypt_block,
    aes128_expand_key,
)
from cipherbench.block.blowfish import (
    BlowfishSubkeys,
    blowfish_decrypt_block,
    blowfish_encrypt_block,
    blowfish_expand_key,
)
from cipherbench.block.twofish import (
    TwofishSubkeys,
    pht,
    twofish_decrypt_block,
    twofish_encrypt_block,
    twofish_expand_key,
)

__all__ = [
    "aes128_expand_key",
    "aes128_encrypt_block",
    "aes128_decrypt_block",
    "BlowfishSubkeys",
    "blowfish_expand_key",
    "blowfish_encrypt_block",
    "blowfish_decrypt_block",
    "TwofishSubkeys",
    "pht",
    "twofish_expand_key",
    "twofish_encrypt_block",
    "twofish_decrypt_block",
]
