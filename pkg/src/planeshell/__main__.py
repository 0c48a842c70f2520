from planeshell.cli import main

raise SystemExit(main())
