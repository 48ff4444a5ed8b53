// six-zero survey (built later)
