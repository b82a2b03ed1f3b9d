#!/usr/bin/env python3
"""Writes the golden key files and containers byte by byte from the format
description, independently of the C++ codec. Re-run only if the format
changes; the outputs are committed."""

import os
import struct
import zlib

HERE = os.path.dirname(os.path.abspath(__file__))


def symbols(values, order):
    if order <= 256:
        return bytes(values)
    return b"".join(struct.pack(">H", v) for v in values)


def key_file(order, seed, table_rows):
    body = b"LSQKEY\x00\x01" + struct.pack(">I", order) + seed
    for row in table_rows:
        body += symbols(row, order)
    return body + struct.pack(">I", zlib.crc32(body))


def container(order, m, nonce, payload, plaintext):
    out = b"LSQCT\x00\x00\x01" + bytes([1]) + struct.pack(">I", order) + bytes([m]) + nonce
    out += struct.pack(">Q", len(payload)) + symbols(payload, order)
    return out + struct.pack(">I", zlib.crc32(symbols(plaintext, order)))


def write(name, data):
    with open(os.path.join(HERE, name), "wb") as f:
        f.write(data)


# delta(a, x) = (a + x) mod n, rows = inputs x, columns = states a.
write("key_z3.bin", key_file(3, bytes(range(32)), [[(a + x) % 3 for a in range(3)] for x in range(3)]))
write("key_z257.bin", key_file(257, bytes(range(32, 64)), [[(a + x) % 257 for a in range(257)] for x in range(257)]))
write("container_n3.bin", container(3, 4, bytes(range(0xF0, 0xFC)), [1, 0, 2, 2, 1], [2, 1, 0, 0, 1]))
write("container_n1000.bin", container(1000, 1, bytes(range(12)), [0, 999, 256, 511, 1], [5, 6, 7, 998, 300]))
