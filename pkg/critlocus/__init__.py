# critlocus package initialization
