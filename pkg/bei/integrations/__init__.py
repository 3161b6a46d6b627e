"""
Integrations with external computer algebra
"""

from .buchberger import buchberger_oracle, ring_generators

__all__ = ['buchberger_oracle', 'ring_generators']
