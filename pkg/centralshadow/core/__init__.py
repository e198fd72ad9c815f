__all__ = ['eigen', 'errors', 'linear', 'skew_product', 'system', 'torus',
           'trajectory']
