from multihop.cli import console_main

console_main()
