"""
ModSampling - 超奈奎斯特率模数折叠采样恢复库
"""

__version__ = '0.1.0'
