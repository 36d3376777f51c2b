# Copyright cgnf developers.  See LICENSE file for details.

"""
Shared cgnf components.
"""
