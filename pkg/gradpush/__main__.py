from gradpush.main import main

main()
