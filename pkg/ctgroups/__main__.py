from ctgroups.main import main

raise SystemExit(main())
