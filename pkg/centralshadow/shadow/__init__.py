__all__ = ['constants', 'oracle', 'passes', 'probe', 'report', 'shadower']
