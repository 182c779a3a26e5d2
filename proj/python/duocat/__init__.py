"""duocat python package."""
