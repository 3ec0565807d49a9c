from orbiteq.cli import main

raise SystemExit(main())
