# Copyright cgnf developers.  See LICENSE file for details.

"""
Tests for ``cgnf.train._persist``.
"""

import struct

from twisted.python.filepath import FilePath
from twisted.trial.unittest import SynchronousTestCase

from .. import (
    MAGIC, FORMAT_VERSION, CorruptFile, VersionMismatch, model_to_bytes,
    model_from_bytes, save_model, load_model,
)
from ..testtools import confounded_dataset, untrained_model


def small_model():
    return untrained_model(
        confounded_dataset(10), seed=4, conditioner_widths=(6, 5),
        transformer_widths=(4,), context_width=3)


class RoundTripTests(SynchronousTestCase):
    """
    Tests for writing and reading model files.
    """
    def assertSameModel(self, expected, actual):
        self.assertEqual(
            ([p.tobytes() for p in expected.model.parameters()],
             expected.dag, expected.specs, expected.config,
             expected.history, expected.best_epoch,
             (expected.train_nll, expected.validation_nll,
              expected.test_nll)),
            ([p.tobytes() for p in actual.model.parameters()],
             actual.dag, actual.specs, actual.config,
             actual.history, actual.best_epoch,
             (actual.train_nll, actual.validation_nll, actual.test_nll)))

    def test_bytes(self):
        """
        A serialized model deserializes to bit-identical parameters and the
        same metadata.
        """
        trained = small_model()
        self.assertSameModel(
            trained, model_from_bytes(model_to_bytes(trained)))

    def test_file(self):
        """
        ``save_model`` writes a file ``load_model`` reads back.
        """
        trained = small_model()
        path = FilePath(self.mktemp())
        save_model(trained, path)
        self.assertSameModel(trained, load_model(path))

    def test_stable(self):
        """
        Serializing twice gives the same bytes.
        """
        trained = small_model()
        self.assertEqual(model_to_bytes(trained), model_to_bytes(trained))

    def test_preamble(self):
        """
        A file starts with the magic bytes and the format version.
        """
        content = model_to_bytes(small_model())
        self.assertEqual(
            (MAGIC, FORMAT_VERSION),
            struct.unpack(">4sH", content[:6]))


class CorruptionTests(SynchronousTestCase):
    """
    Tests for rejecting content which is not a usable model file.
    """
    def test_magic(self):
        """
        Content with the wrong magic is a ``CorruptFile``.
        """
        content = model_to_bytes(small_model())
        self.assertRaises(CorruptFile, model_from_bytes, b"XXXX" + content[4:])

    def test_future_version(self):
        """
        A newer format version is a ``VersionMismatch``.
        """
        content = model_to_bytes(small_model())
        future = content[:4] + struct.pack(">H", FORMAT_VERSION + 1)
        self.assertRaises(
            VersionMismatch, model_from_bytes, future + content[6:])

    def test_truncated_parameters(self):
        """
        Missing parameter bytes are detected.
        """
        content = model_to_bytes(small_model())
        self.assertRaises(CorruptFile, model_from_bytes, content[:-8])

    def test_truncated_preamble(self):
        """
        Content shorter than the preamble is a ``CorruptFile``.
        """
        self.assertRaises(CorruptFile, model_from_bytes, MAGIC)

    def test_bad_header(self):
        """
        An unreadable header is a ``CorruptFile``.
        """
        header = b"{not json"
        content = struct.pack(">4sHI", MAGIC, FORMAT_VERSION, len(header))
        self.assertRaises(CorruptFile, model_from_bytes, content + header)
