from sqfree.cli import main

main()
