from localic.cli import main

raise SystemExit(main())
