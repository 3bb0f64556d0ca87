from ydweyl.cli import main

raise SystemExit(main())
