__all__ = ['cli', 'config', 'svg']
