# Copyright cgnf developers.  See LICENSE file for details.

"""Tests for :module:`cgnf.flow`."""
