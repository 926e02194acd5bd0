"""
Бинарный контейнер нейросетевой модели (описание полей - docs/MODEL_FORMAT.md).
"""

import logging
import struct
from collections import OrderedDict
from typing import Tuple

import numpy as np

from neural.params import ARCHITECTURES, ModelParams
from utils.errors import ModelFormatError

logger = logging.getLogger(__name__)

MAGIC = b'BOWM'
FORMAT_VERSION = 1
FINGERPRINT_BYTES = 32


def _pack_name(name: str) -> bytes:
    encoded = name.encode('ascii')
    if len(encoded) > 255:
        raise ValueError(f"name too long for the model container: {name!r}")
    return struct.pack('<B', len(encoded)) + encoded


def to_bytes(params: ModelParams) -> bytes:
    """
    Сериализовать параметры (float32, little-endian, порядок тензоров сохраняется).
    """
    fingerprint = bytes.fromhex(params.vocab_fingerprint) if params.vocab_fingerprint else b''
    if len(fingerprint) not in (0, FINGERPRINT_BYTES):
        raise ValueError("vocabulary fingerprint must be a SHA-256 hex digest")

    chunks = [MAGIC, struct.pack('<H', FORMAT_VERSION), _pack_name(params.arch),
              fingerprint.ljust(FINGERPRINT_BYTES, b'\0'),
              struct.pack('<H', len(params.dims))]
    for name, value in params.dims.items():
        chunks.append(_pack_name(name) + struct.pack('<I', value))

    chunks.append(struct.pack('<H', len(params.tensors)))
    for name, tensor in params.tensors.items():
        chunks.append(_pack_name(name) + struct.pack('<B', tensor.ndim))
        chunks.append(struct.pack(f'<{tensor.ndim}I', *tensor.shape))
        chunks.append(np.ascontiguousarray(tensor, dtype='<f4').tobytes())
    return b''.join(chunks)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.offset = 0

    def take(self, size: int) -> bytes:
        if self.offset + size > len(self.data):
            raise ModelFormatError(f"model file truncated at byte {self.offset}")
        chunk = self.data[self.offset:self.offset + size]
        self.offset += size
        return chunk

    def unpack(self, fmt: str) -> Tuple:
        return struct.unpack(fmt, self.take(struct.calcsize(fmt)))

    def name(self) -> str:
        (length,) = self.unpack('<B')
        try:
            return self.take(length).decode('ascii')
        except UnicodeDecodeError:
            raise ModelFormatError(f"non-ascii name at byte {self.offset - length}")


def from_bytes(data: bytes) -> ModelParams:
    """
    Разобрать контейнер.

    Raises:
        ModelFormatError: Неверная сигнатура, версия, архитектура или обрезанный файл
    """
    reader = _Reader(data)
    if reader.take(len(MAGIC)) != MAGIC:
        raise ModelFormatError("not a word-ordering model file (bad magic bytes)")
    (version,) = reader.unpack('<H')
    if version != FORMAT_VERSION:
        raise ModelFormatError(f"unsupported model format version {version}")
    arch = reader.name()
    if arch not in ARCHITECTURES:
        raise ModelFormatError(f"unknown architecture tag {arch!r}")
    fingerprint = reader.take(FINGERPRINT_BYTES)
    fingerprint_hex = '' if fingerprint == b'\0' * FINGERPRINT_BYTES else fingerprint.hex()

    (n_dims,) = reader.unpack('<H')
    dims = {}
    for _ in range(n_dims):
        name = reader.name()
        (dims[name],) = reader.unpack('<I')

    (n_tensors,) = reader.unpack('<H')
    tensors = OrderedDict()
    for _ in range(n_tensors):
        name = reader.name()
        (ndim,) = reader.unpack('<B')
        shape = reader.unpack(f'<{ndim}I')
        count = int(np.prod(shape)) if ndim else 1
        raw = np.frombuffer(reader.take(4 * count), dtype='<f4')
        tensors[name] = raw.astype(np.float64).reshape(shape)

    if reader.offset != len(data):
        raise ModelFormatError(f"{len(data) - reader.offset} trailing bytes after the last tensor")
    _check_layout(arch, dims, tensors)
    return ModelParams(arch, dims, tensors, fingerprint_hex)


def _check_layout(arch: str, dims, tensors):
    from neural.training import MODEL_CLASSES

    try:
        expected = [(name, tuple(shape)) for name, shape in MODEL_CLASSES[arch].tensor_shapes(dims)]
    except KeyError as e:
        raise ModelFormatError(f"dimension header lacks {e.args[0]!r} for {arch}")
    actual = [(name, tuple(value.shape)) for name, value in tensors.items()]
    if actual != expected:
        raise ModelFormatError(f"tensor layout does not match the {arch} architecture")


def save_params(params: ModelParams, path: str):
    with open(path, 'wb') as f:
        f.write(to_bytes(params))
    logger.info(f"💾 [MODEL] {params.arch} сохранена в {path}")


def load_params(path: str) -> ModelParams:
    with open(path, 'rb') as f:
        params = from_bytes(f.read())
    logger.info(f"📖 [MODEL] {path}: {params.arch}, {params.dims}")
    return params


def is_model_file(path: str) -> bool:
    with open(path, 'rb') as f:
        return f.read(len(MAGIC)) == MAGIC
