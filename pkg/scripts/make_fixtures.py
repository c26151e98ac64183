"""Write the JSON copies of the built-in fixtures into the package."""

from smartvote import fileformat, fixtures


def main():
    for name in fixtures.NAMES:
        target = fixtures.path(name)
        fileformat.dump(fixtures.build(name), target)
        print(f"wrote {target}")


if __name__ == "__main__":
    main()
