import os
import sys

import django


def main():
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "confbench.settings")
    django.setup()
    # Imported late: the checkers read settings at import time
    from frontend.dispatch import dispatch

    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
