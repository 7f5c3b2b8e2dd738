from atomsym.cli import main

main()
