// survey state machinery (built later)
