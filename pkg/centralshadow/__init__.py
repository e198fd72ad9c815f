__all__ = ['core', 'shadow', 'experiment']
