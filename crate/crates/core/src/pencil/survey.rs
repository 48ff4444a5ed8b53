// survey driver (built later)
