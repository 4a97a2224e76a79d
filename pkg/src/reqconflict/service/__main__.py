import argparse

import uvicorn


def main(argv: list[str] | None = None) -> None:
    p = argparse.ArgumentParser(prog="reqconflict-service", description="Serve the contradiction analysis API.")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8080)
    args = p.parse_args(argv)
    uvicorn.run("reqconflict.service.app:app", host=args.host, port=args.port)


if __name__ == "__main__":
    main()
