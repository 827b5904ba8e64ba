"""Test suite for PSO-JobShop"""
