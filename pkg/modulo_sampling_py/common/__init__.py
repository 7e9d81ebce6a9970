"""
ModSampling 通用功能包
"""
