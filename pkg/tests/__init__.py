# Test package for the skew root system engine
