# Copyright cgnf developers.  See LICENSE file for details.

"""
Tests for top-level ``cgnf`` package.
"""
